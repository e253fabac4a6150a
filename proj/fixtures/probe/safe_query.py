def fetch_orders_9002(db, name):
    cursor = db.cursor()
    query = "SELECT * FROM orders WHERE owner = ?"
    cursor.execute(query, (name,))
    return cursor.fetchall()
