def lookup_products_9001(db, value):
    cursor = db.cursor()
    query = f"SELECT * FROM products WHERE owner = '{value}'"
    cursor.execute(query)
    return cursor.fetchall()
